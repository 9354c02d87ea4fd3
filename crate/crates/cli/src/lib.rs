//! Command-line front end for hallkit.

pub mod parse;
pub mod report;

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context as _};
use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use hallkit::catalog::Catalog;
use hallkit::cc::{ck_check, cluster_mult_check, higher_assoc_sweep, CcForm, CcMap};
use hallkit::cluster::{enumerate_clusters, exchange_matrix, finite_type_test, laurent_check, Seed};
use hallkit::laurent::LaurentPoly;
use hallkit::hall::{degenerated_green_for, degenerated_green_sweep, split_stratum_sweep, Label, Universe};
use hallkit::object::{Decorated, ModSpec};
use hallkit::quiver::{DimVector, IntMatrix, Quiver};
use hallkit::rep::Rep;
use hallkit::report::{Comparison, Sweep};
use hallkit::twocy::{TwoCy, MESH_CONVENTION};
use hallkit::uniform::{ClassKey, Uniform};
use hallkit::Limits;

use parse::{parse_module, parse_quiver, ModuleFile, ParseError};
use report::{Format, Report, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

/// Bad arguments that clap cannot catch.
#[derive(Debug, Error)]
#[error("{0}")]
pub struct Usage(pub String);

#[derive(Parser, Debug)]
#[command(name = "hallkit", version, about = "Hall numbers, Green's formula, cluster characters and mutations over finite fields")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Quiver file.
    #[arg(long, global = true)]
    pub quiver: Option<PathBuf>,
    /// Primes to evaluate at.
    #[arg(long, global = true, value_delimiter = ',', default_value = "2,3")]
    pub primes: Vec<u64>,
    /// Ceiling on the total dimension of the objects swept.
    #[arg(long = "max-total-dim", global = true, default_value_t = 3)]
    pub max_total_dim: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    pub json: bool,
    /// Ceiling on Hom-space scans.
    #[arg(long, global = true)]
    pub guard_hom: Option<u64>,
    /// Ceiling on subspace enumerations.
    #[arg(long, global = true)]
    pub guard_subspaces: Option<u64>,
    /// Ceiling on representation-variety scans.
    #[arg(long, global = true)]
    pub guard_points: Option<u64>,
    /// Ceiling on Ext/Hom stratum scans.
    #[arg(long, global = true)]
    pub guard_strata: Option<u64>,
    /// Largest prime used when interpolating counts.
    #[arg(long, global = true)]
    pub max_prime: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a quiver file, and optionally a module file against it.
    QuiverCheck {
        #[arg(long)]
        module: Option<PathBuf>,
    },
    /// Isomorphism classes of one dimension vector.
    IsoClasses {
        #[arg(long)]
        dims: String,
    },
    /// Hall numbers g^L_{XY}.
    Hall {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        l: Option<String>,
    },
    /// Green's formula and its variants.
    Green {
        #[arg(value_enum, default_value_t = GreenVariant::Original)]
        variant: GreenVariant,
        /// For `degenerated`: fix ξ′.
        #[arg(long)]
        xi: Option<String>,
        /// For `degenerated`: fix η′.
        #[arg(long)]
        eta: Option<String>,
    },
    /// Compatibility of product and coproduct.
    CoproductCheck,
    /// The Hopf pairing, plain and twisted.
    PairingCheck,
    /// Quantum Serre relations between neighbouring simples.
    SerreCheck,
    /// Cluster character of an object; `@file` reads a module file.
    Cc {
        #[arg(long)]
        object: String,
        #[arg(long, value_enum, default_value_t = FormArg::Product)]
        form: FormArg,
    },
    /// X_M X_N as a sum over projective extension strata.
    Ck {
        #[arg(long)]
        m: String,
        #[arg(long)]
        n: String,
    },
    /// The cluster multiplication formula with its Ext and Hom terms.
    ClusterMult {
        #[arg(long)]
        xi: String,
        #[arg(long)]
        eta: String,
    },
    /// Higher associativity of Euler characteristics, plain and projective.
    AssocCheck,
    /// Cluster algebra mutations.
    Cluster {
        #[command(subcommand)]
        action: ClusterCmd,
    },
    /// Evaluation forms on nilpotent preprojective modules.
    Twocy {
        #[command(subcommand)]
        action: TwoCyCmd,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GreenVariant {
    Original,
    Rewritten,
    Nonhereditary,
    Degenerated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Product,
    Coxeter,
}

#[derive(Subcommand, Debug)]
pub enum ClusterCmd {
    /// Apply a mutation sequence (1-based) to the initial seed.
    Mutate {
        #[arg(long)]
        b: Option<String>,
        #[arg(long, value_delimiter = ',')]
        seq: Vec<usize>,
    },
    /// Breadth-first enumeration of clusters.
    Enumerate {
        #[arg(long)]
        b: Option<String>,
        #[arg(long, default_value_t = 1000)]
        ceiling: usize,
    },
    /// Finite-type test through the mutation class.
    FiniteType {
        #[arg(long)]
        b: Option<String>,
        #[arg(long, default_value_t = 1000)]
        bound: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum TwoCyCmd {
    /// Classes of one grade grouped by evaluation form.
    Classes {
        #[arg(long)]
        dims: String,
    },
    /// The 2-CY product identity for one pair, or swept up to the total-dimension ceiling.
    Thm82 {
        #[arg(long)]
        m: Option<String>,
        #[arg(long)]
        n: Option<String>,
    },
}

/// Parsed inputs shared by every command.
struct Ctx {
    quiver: Option<Arc<Quiver>>,
    quiver_path: Option<PathBuf>,
    config: RunConfig,
}

impl Ctx {
    fn new(common: &Common) -> anyhow::Result<Self> {
        let d = Limits::default();
        let limits = Limits {
            hom_scan: common.guard_hom.unwrap_or(d.hom_scan),
            subspaces: common.guard_subspaces.unwrap_or(d.subspaces),
            points: common.guard_points.unwrap_or(d.points),
            strata: common.guard_strata.unwrap_or(d.strata),
            max_prime: common.max_prime.unwrap_or(d.max_prime),
        };
        if [limits.hom_scan, limits.subspaces, limits.points, limits.strata, limits.max_prime].contains(&0) {
            bail!(Usage("guard ceilings must be positive".into()));
        }
        if common.max_total_dim == 0 {
            bail!(Usage("--max-total-dim must be positive".into()));
        }
        let mut seen = BTreeSet::new();
        for &p in &common.primes {
            if !hallkit::ff::is_prime(p) {
                bail!(Usage(format!("{p} is not a prime")));
            }
            if !seen.insert(p) {
                bail!(Usage(format!("prime {p} listed twice")));
            }
        }
        if common.primes.is_empty() {
            bail!(Usage("no primes given".into()));
        }
        let quiver = match &common.quiver {
            Some(path) => Some(Arc::new(read_quiver(path)?)),
            None => None,
        };
        let format = if common.json { Format::Json } else { common.format };
        let config = RunConfig {
            quiver: common.quiver.as_ref().map(|p| p.display().to_string()),
            primes: common.primes.clone(),
            max_total_dim: common.max_total_dim,
            limits,
            format,
            args: Default::default(),
        };
        Ok(Ctx { quiver, quiver_path: common.quiver.clone(), config })
    }

    fn limits(&self) -> Limits {
        self.config.limits
    }

    fn max(&self) -> usize {
        self.config.max_total_dim
    }

    fn primes(&self) -> &[u64] {
        &self.config.primes
    }

    fn quiver(&self) -> anyhow::Result<Arc<Quiver>> {
        self.quiver.clone().ok_or_else(|| Usage("this command needs --quiver".into()).into())
    }

    fn report(&self, command: &str) -> Report {
        Report::new(command, self.config.clone())
    }

    /// The catalogued classes when the quiver is of a known shape, otherwise classes discovered up to `max_total`.
    fn catalog(&self, max_total: usize) -> anyhow::Result<Arc<Catalog>> {
        let q = self.quiver()?;
        if q.is_hereditary() {
            if let Ok(c) = Catalog::for_quiver(q.clone()) {
                return Ok(Arc::new(c));
            }
        }
        Ok(Arc::new(Catalog::discover(q, max_total, false, &self.limits())?))
    }

    fn universe(&self, p: u64, max_total: usize) -> anyhow::Result<Universe> {
        Ok(Universe::build(self.catalog(max_total)?, p, max_total, &self.limits())?)
    }

    fn uniform(&self, max_total: usize) -> anyhow::Result<Uniform> {
        Ok(Uniform::new(self.catalog(max_total)?, self.limits()))
    }

    fn module_file(&self, path: &str) -> anyhow::Result<ModuleFile> {
        let q = self.quiver()?;
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
        parse_module(&text, &q).map_err(|e| located(path, e))
    }

    /// A representation from a descriptor or an `@file`.
    fn realize(&self, object: &str, p: u64) -> anyhow::Result<Rep> {
        let q = self.quiver()?;
        match object.strip_prefix('@') {
            Some(path) => {
                let m = self.module_file(path)?;
                Ok(Rep::from_ints(q, p, m.dims, &m.mats)?)
            }
            None => Ok(ModSpec::parse(object)?.realize(&q, p)?),
        }
    }

    fn object_dims(&self, object: &str) -> anyhow::Result<DimVector> {
        Ok(self.realize(object, 2)?.dims().clone())
    }

    fn key(&self, u: &Uniform, object: &str) -> anyhow::Result<ClassKey> {
        if object.starts_with('@') {
            Ok(u.classify(&self.realize(object, 2)?)?)
        } else {
            Ok(u.lookup(object)?)
        }
    }

    fn label(&self, u: &Universe, object: &str) -> anyhow::Result<Label> {
        if object.starts_with('@') {
            Ok(u.find(&self.realize(object, u.p())?)?)
        } else {
            Ok(u.lookup(object)?)
        }
    }

    fn exchange(&self, b: &Option<String>) -> anyhow::Result<IntMatrix> {
        match b {
            Some(text) => serde_json::from_str(text).map_err(|e| Usage(format!("--b: {e}")).into()),
            None => Ok(exchange_matrix(&*self.quiver()?)),
        }
    }
}

fn located(path: &str, e: ParseError) -> anyhow::Error {
    anyhow::Error::new(e).context(path.to_string())
}

fn read_quiver(path: &Path) -> anyhow::Result<Quiver> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_quiver(&text).map_err(|e| located(&path.display().to_string(), e))
}

fn parse_dims(s: &str) -> anyhow::Result<DimVector> {
    let inner = s.trim().trim_start_matches(['[', '(']).trim_end_matches([']', ')']);
    let v: Result<Vec<usize>, _> = inner.split(',').map(|x| x.trim().parse()).collect();
    Ok(DimVector(v.map_err(|_| Usage(format!("bad dimension vector '{s}'")))?))
}

fn iso_classes(ctx: &Ctx, dims: &str) -> anyhow::Result<Report> {
    let d = parse_dims(dims)?;
    ctx.quiver()?.check_dims(&d)?;
    let mut r = ctx.report("iso-classes");
    r.arg("dims", &d);
    let cat = ctx.catalog(d.total().max(1))?;
    let classes = cat.classes(&d)?;
    r.entry("classes", classes.len());
    for p in ctx.primes() {
        for class in &classes {
            let members = cat.members(class, *p)?;
            let auts: Vec<String> = members
                .iter()
                .map(|m| cat.aut_order(class, m, &ctx.limits()).map(|a| a.to_string()))
                .collect::<Result<_, _>>()?;
            let shown = if class.family { format!("{} members, |Aut| {}", members.len(), auts[0]) } else { auts[0].clone() };
            r.entry(format!("|Aut {}| at p={p}", class.name), shown);
        }
        let ok = cat.validate(&d, *p, &ctx.limits())?;
        r.compare(Comparison::with_verdict(
            format!("orbits exhaust the representation space at p={p}"),
            ok,
            true,
            ok,
        ));
    }
    Ok(r)
}

fn hall(ctx: &Ctx, x: &str, y: &str, l: Option<&str>) -> anyhow::Result<Report> {
    let mut r = ctx.report("hall");
    r.arg("x", x);
    r.arg("y", y);
    if let Some(l) = l {
        r.arg("l", l);
    }
    let d = &ctx.object_dims(x)? + &ctx.object_dims(y)?;
    for &p in ctx.primes() {
        let u = ctx.universe(p, d.total())?;
        let (lx, ly) = (ctx.label(&u, x)?, ctx.label(&u, y)?);
        let targets: Vec<Label> = match l {
            Some(l) => vec![ctx.label(&u, l)?],
            None => u.grade(&d)?.collect(),
        };
        for t in targets {
            r.entry(format!("g^{{{}}}_{{{},{}}} at p={p}", u.name(t), u.name(lx), u.name(ly)), u.hall_number(lx, ly, t));
        }
    }
    Ok(r)
}

fn count_sweep(title: String, items: impl IntoIterator<Item = anyhow::Result<Comparison>>) -> anyhow::Result<Sweep> {
    let mut s = Sweep::new(title);
    for c in items {
        s.push(c?);
    }
    Ok(s)
}

fn green(ctx: &Ctx, variant: GreenVariant, xi: Option<&str>, eta: Option<&str>) -> anyhow::Result<Report> {
    let max = ctx.max();
    let name = format!("green {}", variant.to_possible_value().expect("named").get_name());
    let mut r = ctx.report(&name);
    match variant {
        GreenVariant::Original => {
            for &p in ctx.primes() {
                r.sweep(ctx.universe(p, max)?.green_sweep(max)?);
            }
        }
        GreenVariant::Rewritten => {
            for &p in ctx.primes() {
                let u = ctx.universe(p, max)?;
                let mut corrected = Sweep::new(format!("rewritten formula, corrected, p={p}"));
                let mut raw = Sweep::new(format!("rewritten formula, uncorrected weight times |Hom|, p={p}"));
                let mut plain = Sweep::new(format!("rewritten formula, uncorrected weight, p={p}"));
                for q in u.quads(max) {
                    let w = u.green_rewritten(&q)?;
                    corrected.push(w.corrected);
                    raw.push(w.uncorrected_raw);
                    plain.push(w.uncorrected);
                }
                let mut rp = Sweep::new(format!("Riedtmann-Peng, corrected, p={p}"));
                let mut rp_plain = Sweep::new(format!("Riedtmann-Peng without a_λ, p={p}"));
                for a in u.all() {
                    for b in u.all() {
                        let d = u.dims(a) + u.dims(b);
                        if d.total() > max {
                            continue;
                        }
                        for l in u.grade(&d)? {
                            let (c, pr) = u.riedtmann_peng(a, b, l)?;
                            rp.push(c);
                            rp_plain.push(pr);
                        }
                    }
                }
                r.sweep(corrected);
                r.sweep(rp);
                r.reading(raw);
                r.reading(plain);
                r.reading(rp_plain);
            }
        }
        GreenVariant::Nonhereditary => {
            for &p in ctx.primes() {
                let u = ctx.universe(p, max)?;
                let mut s = Sweep::new(format!("non-hereditary Green formula, p={p}"));
                let (mut filtered, mut differs) = (0, 0);
                for q in u.quads(max) {
                    let w = u.green_nonhereditary(&q)?;
                    filtered += usize::from(w.filtered_out > 0);
                    if w.unfiltered != w.comparison.rhs {
                        differs += 1;
                        s.note(format!("{}: unfiltered right side {}", w.comparison.case, w.unfiltered));
                    }
                    s.push(w.comparison);
                }
                r.entry(format!("quadruples with filtered squares at p={p}"), filtered);
                r.entry(format!("quadruples where the unfiltered sum differs at p={p}"), differs);
                r.sweep(s);
            }
        }
        GreenVariant::Degenerated => {
            let u = ctx.uniform(max)?;
            match (xi, eta) {
                (Some(a), Some(b)) => {
                    r.arg("xi", a);
                    r.arg("eta", b);
                    r.sweep(degenerated_green_for(&u, &ctx.key(&u, a)?, &ctx.key(&u, b)?)?);
                }
                (None, None) => r.sweep(degenerated_green_sweep(&u, max)?),
                _ => bail!(Usage("give both --xi and --eta, or neither".into())),
            }
            r.sweep(split_stratum_sweep(&u, max)?);
        }
    }
    Ok(r)
}

fn algebra_sweep(ctx: &Ctx, command: &str) -> anyhow::Result<Report> {
    let max = ctx.max();
    let mut r = ctx.report(command);
    for &p in ctx.primes() {
        let u = ctx.universe(p, max)?;
        let within = |x: Label, y: Label| (u.dims(x) + u.dims(y)).total() <= max;
        let s = match command {
            "coproduct-check" => {
                let pairs = u.all().flat_map(|x| u.all().map(move |y| (x, y)));
                count_sweep(
                    format!("δ(u_X u_Y) = δ(u_X)δ(u_Y), p={p}"),
                    pairs.filter(|&(x, y)| within(x, y)).map(|(x, y)| Ok(u.green_compat_check(x, y)?)),
                )?
            }
            "pairing-check" => {
                let mut s = Sweep::new(format!("Hopf pairing, p={p}"));
                for a in u.all() {
                    for b in u.all() {
                        if !within(a, b) {
                            continue;
                        }
                        for c in u.grade(&(u.dims(a) + u.dims(b)))? {
                            for twisted in [false, true] {
                                s.push(u.hopf_pairing_check(c, a, b, twisted)?);
                            }
                        }
                    }
                }
                s
            }
            _ => {
                let q = u.quiver().clone();
                let n = q.vertex_count();
                let mut s = Sweep::new(format!("quantum Serre relations, p={p}"));
                for i in 0..n {
                    for j in 0..n {
                        if i != j && q.arrow_count(i, j) + q.arrow_count(j, i) == 1 {
                            s.push(u.serre_check(i, j)?);
                        }
                    }
                }
                s
            }
        };
        r.sweep(s);
    }
    Ok(r)
}

fn cc(ctx: &Ctx, object: &str, form: FormArg) -> anyhow::Result<Report> {
    let m = CcMap::new(ctx.quiver()?, ctx.limits())?;
    let mut r = ctx.report("cc");
    r.arg("object", object);
    r.arg("form", format!("{form:?}").to_lowercase());
    let form = match form {
        FormArg::Product => CcForm::Product,
        FormArg::Coxeter => CcForm::Coxeter,
    };
    let x = if let Some(path) = object.strip_prefix('@') {
        let file = ctx.module_file(path)?;
        m.cc_of(|p| Rep::from_ints(m.quiver().clone(), p, file.dims.clone(), &file.mats), form)?
    } else {
        let d = Decorated::parse(object)?;
        match form {
            CcForm::Product => m.cc(&d)?,
            CcForm::Coxeter => {
                let mut x = m.cc_of(|p| d.module.realize(m.quiver(), p), form)?;
                for &i in &d.shifted {
                    if i >= m.nvars() {
                        bail!(Usage(format!("P{}[1] is not a vertex", i + 1)));
                    }
                    x = &x * &LaurentPoly::var(m.nvars(), i);
                }
                x
            }
        }
    };
    r.laurent(format!("X_{{{object}}}"), x);
    Ok(r)
}

fn mult(ctx: &Ctx, command: &str, a: &str, b: &str) -> anyhow::Result<Report> {
    let q = ctx.quiver()?;
    let m = CcMap::new(q, ctx.limits())?;
    let d = &ctx.object_dims(a)? + &ctx.object_dims(b)?;
    let u = ctx.uniform(d.total())?;
    let (ka, kb) = (ctx.key(&u, a)?, ctx.key(&u, b)?);
    let mut r = ctx.report(command);
    let rep = if command == "ck" {
        r.arg("m", a);
        r.arg("n", b);
        ck_check(&m, &u, &ka, &kb)?
    } else {
        r.arg("xi", a);
        r.arg("eta", b);
        cluster_mult_check(&m, &u, &ka, &kb)?
    };
    r.entry("coefficient", &rep.coefficient);
    for t in rep.ext_terms.iter().chain(&rep.hom_terms) {
        let label = if t.label == t.stratum { t.label.clone() } else { format!("{} [{}]", t.label, t.stratum) };
        r.entry(label, format!("χ = {} from {}, value {}", t.chi, t.count, t.value));
    }
    if let Some(net) = rep.net() {
        r.entry("net", net);
    }
    r.compare(rep.comparison.clone());
    r.detail(&rep)?;
    Ok(r)
}

fn cluster(ctx: &Ctx, action: &ClusterCmd) -> anyhow::Result<Report> {
    match action {
        ClusterCmd::Mutate { b, seq } => {
            let b = ctx.exchange(b)?;
            let seed = Seed::initial(b.clone())?;
            let n = seed.rank();
            if let Some(&bad) = seq.iter().find(|&&k| k == 0 || k > n) {
                bail!(Usage(format!("mutation index {bad} is outside 1..={n}")));
            }
            let mut r = ctx.report("cluster mutate");
            r.arg("b", serde_json::to_string(&b)?);
            r.arg("seq", seq.iter().map(usize::to_string).collect::<Vec<_>>().join(","));
            let zero_based: Vec<usize> = seq.iter().map(|k| k - 1).collect();
            let out = seed.mutate_seq(&zero_based)?;
            for (i, v) in out.vars.iter().enumerate() {
                r.entry(format!("x'{}", i + 1), v);
                let laurent = laurent_check(v);
                r.compare(Comparison::with_verdict(
                    format!("x'{} is a Laurent polynomial", i + 1),
                    laurent.is_some(),
                    true,
                    laurent.is_some(),
                ));
            }
            r.entry("B'", serde_json::to_string(&out.b)?);
            r.entry("initial seed recovered", out == seed);
            r.entry("initial cluster recovered up to relabeling", out.same_up_to_relabeling(&seed));
            Ok(r)
        }
        ClusterCmd::Enumerate { b, ceiling } => {
            let b = ctx.exchange(b)?;
            let mut r = ctx.report("cluster enumerate");
            r.arg("b", serde_json::to_string(&b)?);
            r.arg("ceiling", ceiling);
            let e = enumerate_clusters(&Seed::initial(b)?, *ceiling)?;
            r.entry("closure", format!("{:?}", e.closure));
            r.entry("seeds", e.seeds);
            r.entry("variables", e.variables.len());
            for v in &e.variables {
                r.entry("variable", v);
            }
            for v in &e.non_laurent {
                r.compare(Comparison::with_verdict("Laurent phenomenon", v, "a Laurent polynomial", false));
            }
            r.detail(&e)?;
            Ok(r)
        }
        ClusterCmd::FiniteType { b, bound } => {
            let b = ctx.exchange(b)?;
            let mut r = ctx.report("cluster finite-type");
            r.arg("b", serde_json::to_string(&b)?);
            r.arg("bound", bound);
            let t = finite_type_test(&b, *bound)?;
            r.entry("verdict", t.verdict);
            r.entry("exchange matrices explored", t.explored);
            r.entry("mutation class exhausted", t.class_exhausted);
            r.entry("witness", serde_json::to_string(&t.matrix)?);
            r.entry("Cartan counterpart", serde_json::to_string(&t.counterpart)?);
            r.entry("leading minors", t.leading_minors.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(", "));
            r.entry("determinant", &t.determinant);
            r.entry("positive semidefinite", t.positive_semidefinite);
            r.detail(&t)?;
            Ok(r)
        }
    }
}

fn twocy(ctx: &Ctx, action: &TwoCyCmd) -> anyhow::Result<Report> {
    let q = ctx.quiver()?;
    match action {
        TwoCyCmd::Classes { dims } => {
            let d = parse_dims(dims)?;
            q.check_dims(&d)?;
            let t = TwoCy::build(&q, d.total().max(1), ctx.limits())?;
            let table = t.class_table(&d, None)?;
            let mut r = ctx.report("twocy classes");
            r.arg("dims", &d);
            r.entry("mesh relations", MESH_CONVENTION);
            r.entry("flag types", table.types.join(" "));
            for c in &table.classes {
                let delta: Vec<String> = c.delta.iter().map(|x| x.to_string()).collect();
                r.entry(format!("δ {}", c.members.join(", ")), format!("({})", delta.join(",")));
            }
            r.detail(&table)?;
            Ok(r)
        }
        TwoCyCmd::Thm82 { m, n } => {
            let mut r = ctx.report("twocy thm82");
            r.entry("mesh relations", MESH_CONVENTION);
            match (m, n) {
                (Some(a), Some(b)) => {
                    r.arg("m", a);
                    r.arg("n", b);
                    let pp = Arc::new(hallkit::twocy::preprojective(&q)?);
                    let realize = |s: &str| -> anyhow::Result<DimVector> { Ok(ModSpec::parse(s)?.realize(&pp, 2)?.dims().clone()) };
                    let total = (&realize(a)? + &realize(b)?).total();
                    let t = TwoCy::build(&q, total.max(ctx.max()), ctx.limits())?;
                    let u = t.uniform();
                    let rep = t.thm82_check(&u.lookup(a)?, &u.lookup(b)?, None)?;
                    r.entry("flag types", rep.types.join(" "));
                    r.entry("scalar", &rep.scalar);
                    for t in &rep.terms {
                        r.entry(format!("χ terms at {}", t.class), format!("{}, {}", t.from_mn, t.from_nm));
                    }
                    r.compare(rep.comparison.clone());
                    r.detail(&rep)?;
                }
                (None, None) => {
                    let t = TwoCy::build(&q, ctx.max(), ctx.limits())?;
                    r.sweep(t.thm82_sweep(ctx.max())?);
                }
                _ => bail!(Usage("give both --m and --n, or neither".into())),
            }
            Ok(r)
        }
    }
}

fn quiver_check(ctx: &Ctx, module: Option<&Path>) -> anyhow::Result<Report> {
    let q = ctx.quiver()?;
    let mut r = ctx.report("quiver-check");
    r.entry("vertices", q.vertex_count());
    let arrows: Vec<String> =
        q.arrows().iter().enumerate().map(|(k, a)| format!("a{}: {}→{}", k + 1, a.source + 1, a.target + 1)).collect();
    r.entry("arrows", arrows.join(", "));
    for rel in q.relations() {
        let terms: Vec<String> = rel
            .terms
            .iter()
            .map(|(c, path)| {
                let p: Vec<String> = path.iter().map(|a| format!("a{}", a + 1)).collect();
                format!("{c}*[{}]", p.join(","))
            })
            .collect();
        r.entry("relation", terms.join(" + "));
    }
    r.entry("acyclic", q.is_acyclic());
    r.entry("hereditary", q.is_hereditary());
    if q.is_hereditary() {
        r.entry("Euler matrix", serde_json::to_string(&q.euler_matrix()?)?);
    }
    r.entry("exchange matrix", serde_json::to_string(&exchange_matrix(&q))?);
    if let Some(path) = module {
        let path = path.display().to_string();
        r.arg("module", &path);
        let object = format!("@{path}");
        for &p in ctx.primes() {
            let m = ctx.realize(&object, p)?;
            r.entry(format!("module at p={p}"), format!("dims {}, nilpotent {}", m.dims(), m.is_nilpotent()));
        }
        let d = ctx.object_dims(&object)?;
        if let Ok(u) = ctx.uniform(d.total().max(1)) {
            if let Ok(k) = ctx.key(&u, &object) {
                r.entry("class", u.name(&k));
            }
        }
    }
    Ok(r)
}

/// Runs one command and returns its report.
pub fn run(cli: &Cli) -> anyhow::Result<Report> {
    let ctx = Ctx::new(&cli.common)?;
    let mut report = match &cli.command {
        Command::QuiverCheck { module } => quiver_check(&ctx, module.as_deref()),
        Command::IsoClasses { dims } => iso_classes(&ctx, dims),
        Command::Hall { x, y, l } => hall(&ctx, x, y, l.as_deref()),
        Command::Green { variant, xi, eta } => green(&ctx, *variant, xi.as_deref(), eta.as_deref()),
        Command::CoproductCheck => algebra_sweep(&ctx, "coproduct-check"),
        Command::PairingCheck => algebra_sweep(&ctx, "pairing-check"),
        Command::SerreCheck => algebra_sweep(&ctx, "serre-check"),
        Command::Cc { object, form } => cc(&ctx, object, *form),
        Command::Ck { m, n } => mult(&ctx, "ck", m, n),
        Command::ClusterMult { xi, eta } => mult(&ctx, "cluster-mult", xi, eta),
        Command::AssocCheck => {
            let mut r = ctx.report("assoc-check");
            r.sweep(higher_assoc_sweep(&ctx.uniform(ctx.max())?, ctx.max())?);
            Ok(r)
        }
        Command::Cluster { action } => cluster(&ctx, action),
        Command::Twocy { action } => twocy(&ctx, action),
    }?;
    if ctx.quiver_path.is_none() {
        report.config.quiver = None;
    }
    Ok(report)
}

/// Exit status for a failed run.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<hallkit::Error>() {
            return match e {
                hallkit::Error::Guard { .. } => EXIT_GUARD,
                hallkit::Error::Input(_) | hallkit::Error::Precondition(_) | hallkit::Error::MissingGrade(_) => EXIT_INPUT,
                _ => EXIT_VIOLATED,
            };
        }
        if cause.is::<ParseError>() || cause.is::<Usage>() || cause.is::<std::io::Error>() || cause.is::<serde_json::Error>() {
            return EXIT_INPUT;
        }
    }
    EXIT_VIOLATED
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let guard = anyhow::Error::new(hallkit::Error::guard("scan", 10u32, 5)).context("while sweeping");
        assert_eq!(exit_code(&guard), EXIT_GUARD);
        assert_eq!(exit_code(&anyhow::Error::new(hallkit::Error::Input("x".into()))), EXIT_INPUT);
        assert_eq!(exit_code(&anyhow::Error::new(Usage("x".into()))), EXIT_INPUT);
        assert_eq!(exit_code(&anyhow::Error::new(hallkit::Error::Invariant("x".into()))), EXIT_VIOLATED);
    }

    #[test]
    fn failed_comparison_fails_report() {
        let cli = Cli::parse_from(["hallkit", "cluster", "enumerate", "--b", "[[0]]"]);
        let mut r = run(&cli).unwrap();
        assert!(r.ok);
        r.compare(Comparison::new("1 = 2", 1, 2));
        assert!(!r.ok);
        assert!(r.to_string().ends_with("verdict: IDENTITY VIOLATED\n"));
    }
}
