//! `orbchi`: orbifold Euler characteristics, wreath products and their
//! generating series from the command line.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use orbifold_chi::euler::{chi_a, zeta_cellwise, zeta_direct, zeta_virtual, Limits};
use orbifold_chi::group::{GroupSpec, DEFAULT_ORDER_CAP};
use orbifold_chi::presentation::{parse_presentation, DEFAULT_BUDGET};
use orbifold_chi::space::{parse_space, Embedding};
use orbifold_chi::verify::{self, VerificationReport};
use orbifold_chi::wreath::{conjugacy_classes_by_type, wreath_group};
use orbifold_chi::{Error, FgPresentation, FiniteGroup, RationalSeries, Space, Subgroup, VirtualGSpace};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "orbchi", version, about = "Exact orbifold Euler characteristics of finite group actions")]
struct Cli {
    /// Relator evaluations allowed per enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    /// Largest group order that may be constructed.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_CAP, value_parser = positive_usize)]
    cap: usize,
    /// Human-readable output instead of JSON.
    #[arg(long, global = true, conflicts_with = "json")]
    pretty: bool,
    /// JSON output (the default).
    #[arg(long, global = true)]
    json: bool,
    /// Write the output to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order, generators and conjugacy classes of a group, or of G ≀ S_n.
    Group {
        #[arg(long)]
        group: String,
        /// Describe the wreath product with S_n instead.
        #[arg(long)]
        wreath: Option<usize>,
    },
    /// χ^(A)(X, G).
    Chi {
        #[command(flatten)]
        target: Target,
        /// Always enumerate homomorphisms.
        #[arg(long)]
        force_enumeration: bool,
    },
    /// ζ^(A)_(X,G)(t) up to t^N.
    Zeta {
        #[command(flatten)]
        target: Target,
        #[arg(long = "N", default_value_t = 4)]
        order: usize,
        #[arg(long, value_enum, default_value_t = ZetaEngine::Direct)]
        engine: ZetaEngine,
    },
    /// Check an identity on one instance or on its default catalog.
    Verify(VerifyArgs),
    /// Reproduce the two failing one-point series identities.
    Counterexample {
        #[arg(long = "N", default_value_t = 2)]
        order: usize,
    },
}

#[derive(Args, Debug)]
struct Target {
    #[arg(long)]
    group: String,
    #[arg(long)]
    space: String,
    /// Presentation of A.
    #[arg(long = "A")]
    a: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ZetaEngine {
    Direct,
    Cellwise,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Identity {
    Macdonald,
    Induction,
    Tamanoi,
    BryanFulman,
    PropProduct,
    Lemma3,
    Counterexamples,
    ConjugacyTypes,
    Engines,
    Definitions,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    identity: Identity,
    #[arg(long)]
    group: Option<String>,
    #[arg(long)]
    space: Option<String>,
    #[arg(long = "A")]
    a: Option<String>,
    /// First factor for prop-product.
    #[arg(long = "A1")]
    a1: Option<String>,
    /// Second factor for prop-product.
    #[arg(long = "A2")]
    a2: Option<String>,
    /// Euler characteristic of a space of fixed points.
    #[arg(long, allow_hyphen_values = true)]
    chi: Option<i64>,
    /// Rank parameter: A = Z^(k+1).
    #[arg(long)]
    k: Option<usize>,
    /// Wreath degree for conjugacy-types.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long = "N")]
    order: Option<usize>,
    /// Subgroup by generators (`1,2`, `e` for trivial, `all` for the whole
    /// group). Repeat to give an induction chain.
    #[arg(long = "subgroup")]
    subgroups: Vec<String>,
    /// The element `a` for lemma3.
    #[arg(long)]
    element: Option<usize>,
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

/// A failed command: exit code and message.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_resource_limit() { EXIT_BUDGET } else { EXIT_USAGE };
        Failure(code, e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure(EXIT_USAGE, msg.into())
}

/// Rendered output plus whether the command counts as a pass.
struct Output {
    json: Value,
    text: String,
    ok: bool,
}

struct Ctx {
    limits: Limits,
}

impl Ctx {
    fn group(&self, spec: &str) -> Result<Arc<FiniteGroup>, Failure> {
        Ok(GroupSpec::parse(spec)?.build(self.limits.order_cap)?)
    }
}

fn subgroup(g: &Arc<FiniteGroup>, spec: &str) -> Result<Subgroup, Failure> {
    let spec = spec.trim();
    match spec {
        "all" => return Ok(Subgroup::full(g)),
        "e" | "" => return Ok(Subgroup::trivial(g)),
        _ => {}
    }
    let gens = spec
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| usage(format!("`{t}` is not an element index"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Subgroup::generated(g, &gens)?)
}

fn cmd_group(ctx: &Ctx, spec: &str, wreath: Option<usize>) -> Result<Output, Failure> {
    let base = ctx.group(spec)?;
    let g = match wreath {
        Some(n) => wreath_group(&base, n, ctx.limits.order_cap)?,
        None => base.clone(),
    };
    let classes = Subgroup::full(&g).class_reps();
    let abelian = classes.len() == g.order();
    let mut text = format!("{}: order {}, {} classes{}\n", g.label(), g.order(), classes.len(), if abelian { ", abelian" } else { "" });
    let mut class_json = Vec::new();
    for c in &classes {
        let ord = g.element_order(c.representative);
        text.push_str(&format!("  rep {:>6}  size {:>6}  order {}\n", c.representative, c.size, ord));
        class_json.push(json!({ "representative": c.representative, "size": c.size, "element_order": ord }));
    }
    let mut out = json!({
        "label": g.label(),
        "order": g.order(),
        "identity": g.identity(),
        "generators": g.generators(),
        "abelian": abelian,
        "classes": class_json,
    });
    if let Some(n) = wreath {
        let types: Vec<Value> = conjugacy_classes_by_type(&base, n)?
            .into_iter()
            .map(|(t, size)| json!({ "type": t.to_json(), "size": size.to_string() }))
            .collect();
        text.push_str(&format!("  {} conjugacy types\n", types.len()));
        out["types"] = Value::Array(types);
    }
    Ok(Output { json: out, text, ok: true })
}

fn load_target(ctx: &Ctx, t: &Target) -> Result<(Space, FgPresentation), Failure> {
    let g = ctx.group(&t.group)?;
    Ok((parse_space(&t.space, &g)?, parse_presentation(&t.a)?))
}

fn cmd_chi(ctx: &Ctx, t: &Target, force: bool) -> Result<Output, Failure> {
    let (x, a) = load_target(ctx, t)?;
    let limits = Limits { force_enumeration: force, ..ctx.limits };
    let (value, engine) = chi_a(&x.to_virtual(), &a, &limits)?;
    Ok(Output {
        json: json!({ "group": t.group, "space": t.space, "A": t.a, "value": value.to_string(), "engine": engine.to_string() }),
        text: format!("{value}  [{engine}]\n"),
        ok: true,
    })
}

fn cmd_zeta(ctx: &Ctx, t: &Target, order: usize, engine: ZetaEngine) -> Result<Output, Failure> {
    let (x, a) = load_target(ctx, t)?;
    let direct = || -> Result<RationalSeries, Failure> {
        Ok(match &x {
            Space::Set(s) => zeta_direct(s, &a, order, &ctx.limits)?.0,
            Space::Virtual(v) => zeta_virtual(v, &a, order, &ctx.limits)?,
        })
    };
    let cellwise = || -> Result<RationalSeries, Failure> { Ok(zeta_cellwise(&x.to_virtual(), &a, order, &ctx.limits)?) };
    let mut out = json!({ "group": t.group, "space": t.space, "A": t.a, "N": order });
    let (text, ok) = match engine {
        ZetaEngine::Direct | ZetaEngine::Cellwise => {
            let s = if engine == ZetaEngine::Direct { direct()? } else { cellwise()? };
            out["coefficients"] = json!(s.to_strings());
            (format!("{s}\n"), true)
        }
        ZetaEngine::Both => {
            let (d, c) = (direct()?, cellwise()?);
            let agree = d == c;
            out["coefficients"] = json!(d.to_strings());
            out["cellwise"] = json!(c.to_strings());
            out["agree"] = json!(agree);
            let text = if agree {
                format!("{d}\nengines agree\n")
            } else {
                format!("direct:   {d}\ncellwise: {c}\nengines disagree\n")
            };
            (text, agree)
        }
    };
    out["engine"] = json!(format!("{engine:?}").to_lowercase());
    Ok(Output { json: out, text, ok })
}

fn report_output(r: VerificationReport) -> Output {
    let mut text = String::new();
    for i in &r.instances {
        let tag = if i.status == verify::Status::Pass { "pass" } else { "FAIL" };
        text.push_str(&format!("{tag}  {}: {}\n", i.desc, i.detail));
    }
    text.push_str(&format!(
        "{}: {} of {} instances pass\n",
        r.identity,
        r.instances.iter().filter(|i| i.status == verify::Status::Pass).count(),
        r.instances.len()
    ));
    let ok = r.passed();
    Output { json: serde_json::to_value(&r).expect("plain data"), text, ok }
}

impl VerifyArgs {
    fn need<'a>(&self, v: &'a Option<String>, flag: &str) -> Result<&'a str, Failure> {
        v.as_deref().ok_or_else(|| usage(format!("verify {:?} needs --{flag}", self.identity)))
    }

    /// True when no instance flag was given.
    fn is_catalog(&self) -> bool {
        self.group.is_none()
            && self.space.is_none()
            && self.a.is_none()
            && self.a1.is_none()
            && self.a2.is_none()
            && self.chi.is_none()
            && self.k.is_none()
            && self.n.is_none()
            && self.subgroups.is_empty()
            && self.element.is_none()
    }
}

fn cmd_verify(ctx: &Ctx, v: &VerifyArgs) -> Result<Output, Failure> {
    let lim = &ctx.limits;
    let catalog = v.is_catalog();
    let r = match v.identity {
        Identity::Macdonald => {
            let order = v.order.unwrap_or(8);
            if catalog {
                verify::macdonald_catalog(order, lim)
            } else if let Some(chi) = v.chi {
                let g = ctx.group(v.group.as_deref().unwrap_or("trivial"))?;
                verify::verify_macdonald(&VirtualGSpace::points(&Subgroup::full(&g), chi), order, lim)
            } else {
                let g = ctx.group(v.need(&v.group, "group")?)?;
                verify::verify_macdonald(&parse_space(v.need(&v.space, "space")?, &g)?.to_virtual(), order, lim)
            }
        }
        Identity::Induction => {
            if catalog {
                verify::induction_catalog(lim)?
            } else {
                let g = ctx.group(v.need(&v.group, "group")?)?;
                if v.subgroups.len() < 2 {
                    return Err(usage("verify induction needs at least two --subgroup flags"));
                }
                let chain = v.subgroups.iter().map(|s| subgroup(&g, s)).collect::<Result<Vec<_>, _>>()?;
                let emb = Embedding::inclusion(&chain[0]);
                let z = parse_space(v.space.as_deref().unwrap_or("pt"), &emb.source)?.to_virtual().push_forward(&emb)?;
                let a = parse_presentation(v.need(&v.a, "A")?)?;
                verify::verify_induction(&z, &chain, &a, lim)
            }
        }
        Identity::Tamanoi => {
            let order = v.order.unwrap_or(4);
            if catalog {
                verify::tamanoi_catalog(order, lim)?
            } else {
                let g = ctx.group(v.need(&v.group, "group")?)?;
                verify::verify_tamanoi(&g, v.k.unwrap_or(0), order, lim)
            }
        }
        Identity::BryanFulman => {
            let order = v.order.unwrap_or(3);
            if catalog {
                verify::bryan_fulman_catalog(order, lim)?
            } else {
                let e = FiniteGroup::trivial();
                let a = parse_presentation(v.need(&v.a, "A")?)?;
                let x = match (v.chi, &v.space) {
                    (Some(chi), _) => VirtualGSpace::points(&Subgroup::full(&e), chi),
                    (None, Some(s)) => parse_space(s, &e)?.to_virtual(),
                    (None, None) => return Err(usage("verify bryan-fulman needs --chi or --space")),
                };
                verify::verify_bryan_fulman(&x, &a, order, lim)
            }
        }
        Identity::PropProduct => {
            if catalog {
                verify::prop_product_catalog(lim)?
            } else {
                let g = ctx.group(v.need(&v.group, "group")?)?;
                let x = parse_space(v.space.as_deref().unwrap_or("pt"), &g)?.to_virtual();
                let a1 = parse_presentation(v.need(&v.a1, "A1")?)?;
                let a2 = parse_presentation(v.need(&v.a2, "A2")?)?;
                verify::verify_prop_product(&x, &a1, &a2, lim)
            }
        }
        Identity::Lemma3 => {
            if catalog {
                verify::lemma3_catalog(lim)?
            } else {
                let g = ctx.group(v.need(&v.group, "group")?)?;
                let [k] = v.subgroups.as_slice() else {
                    return Err(usage("verify lemma3 needs exactly one --subgroup"));
                };
                let a = v.element.ok_or_else(|| usage("verify lemma3 needs --element"))?;
                verify::verify_lemma3(&g, &subgroup(&g, k)?, a, v.k.unwrap_or(0), lim)
            }
        }
        Identity::Counterexamples => verify::verify_counterexamples(v.order.unwrap_or(2), lim),
        Identity::ConjugacyTypes => {
            if catalog {
                verify::conjugacy_types_catalog(lim)?
            } else {
                let g = ctx.group(v.need(&v.group, "group")?)?;
                verify::verify_conjugacy_types(&g, v.n.unwrap_or(2), lim)
            }
        }
        Identity::Engines => {
            let order = v.order.unwrap_or(3);
            if catalog {
                verify::engines_catalog(order, lim)?
            } else {
                let g = ctx.group(v.need(&v.group, "group")?)?;
                let Space::Set(x) = parse_space(v.need(&v.space, "space")?, &g)? else {
                    return Err(usage("verify engines needs an honest G-set"));
                };
                let a = parse_presentation(v.need(&v.a, "A")?)?;
                VerificationReport::new("engines", vec![verify::verify_engines(&x, &a, order, lim)])
            }
        }
        Identity::Definitions => {
            if catalog {
                verify::definitions_catalog(lim)?
            } else {
                let g = ctx.group(v.need(&v.group, "group")?)?;
                let x = parse_space(v.space.as_deref().unwrap_or("pt"), &g)?.to_virtual();
                VerificationReport::new("definitions", vec![verify::verify_definitions(&x, v.k.unwrap_or(0), lim)])
            }
        }
    };
    Ok(report_output(r))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let ctx = Ctx { limits: Limits { budget: cli.budget, order_cap: cli.cap, force_enumeration: false } };
    match &cli.command {
        Command::Group { group, wreath } => cmd_group(&ctx, group, *wreath),
        Command::Chi { target, force_enumeration } => cmd_chi(&ctx, target, *force_enumeration),
        Command::Zeta { target, order, engine } => cmd_zeta(&ctx, target, *order, *engine),
        Command::Verify(v) => cmd_verify(&ctx, v),
        Command::Counterexample { order } => Ok(report_output(verify::verify_counterexamples(*order, &ctx.limits))),
    }
}

fn emit(cli: &Cli, body: &str) -> Result<(), Failure> {
    match &cli.output {
        Some(path) => fs::write(path, body).map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes()).map_err(|e| usage(e.to_string()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| {
        let body = if cli.pretty {
            out.text
        } else {
            let mut s = serde_json::to_string_pretty(&out.json).expect("plain data");
            s.push('\n');
            s
        };
        emit(&cli, &body)?;
        Ok(out.ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(Failure(code, msg)) => {
            eprintln!("orbchi: {msg}");
            ExitCode::from(code)
        }
    }
}
