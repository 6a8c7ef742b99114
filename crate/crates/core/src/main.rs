use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use phantom_core::criteria::{
    failure_witness_search, oracle_comparison, CriterionWitness, OracleComparison, DEFAULT_WITNESS_BOUND,
    DEFAULT_WITNESS_LETTERS,
};
use phantom_core::homology::{band_finite_pdim_search, path_pdim, string_syzygy, PdimResult};
use phantom_core::io::{
    decode, encode, generalized_graph, peek_kind, render_dot_many, render_generalized, render_graph,
    render_quiver, Artifact, GraphFormat, RenderOptions,
};
use phantom_core::phantom::{
    default_bound, Approximation, FindimValue, PhantomEngine, PhantomError, PhantomResult,
    DEFAULT_CORPUS_LETTERS,
};
use phantom_core::presentation::{parse_presentation, AlgebraClass, QuiverPresentation};
use phantom_core::sample::random_words;
use phantom_core::serial::{saguaro_approximation, serial_findim, Depth, SaguaroReport, SerialError};
use phantom_core::strings::{parse_letters, GeneralizedString, LayeredGraph, StringWord};

#[derive(Parser)]
#[command(name = "pinf", version, about = "String modules, syzygies and phantoms of quiver algebras")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Search bound for top-embedding and socle-covering decisions.
    #[arg(long, global = true)]
    bound: Option<usize>,
    /// Letter bound for string corpora.
    #[arg(long, global = true)]
    letters: Option<usize>,
    /// Periods unrolled on each side when drawing an infinite phantom.
    #[arg(long, global = true, default_value_t = 2)]
    window: usize,
    /// Omit arrow labels from drawings.
    #[arg(long, global = true)]
    no_labels: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Dot,
    Data,
}

#[derive(Subcommand)]
enum Cmd {
    /// Monomial, special biserial, string and left serial tests.
    Classify { alg: PathBuf },
    /// Basis paths of each indecomposable projective.
    Basis { alg: PathBuf },
    /// Projective dimension of a string module or of a path module Λp.
    Pdim {
        alg: PathBuf,
        #[arg(long, conflicts_with = "path", required_unless_present = "path")]
        string: Option<String>,
        #[arg(long)]
        path: Option<String>,
    },
    /// First syzygy of a string module as a sum of strings.
    Syzygy {
        alg: PathBuf,
        #[arg(long)]
        string: String,
    },
    /// Characteristic phantom of a simple module.
    Phantom {
        alg: PathBuf,
        #[arg(long)]
        simple: String,
    },
    /// Whether finite projective dimension modules are contravariantly finite.
    Cfinite { alg: PathBuf },
    /// Left finitistic dimension.
    Findim { alg: PathBuf },
    /// Minimal approximation of a simple; with --pd, by modules of bounded projective dimension.
    Approx {
        alg: PathBuf,
        #[arg(long)]
        simple: String,
        /// Projective dimension bound, a number or `inf`.
        #[arg(long)]
        pd: Option<String>,
    },
    /// Search for vertices and paths showing a simple has no approximation.
    Witness {
        alg: PathBuf,
        #[arg(long)]
        simple: String,
    },
    /// Bands of finite projective dimension up to the given word length and degree.
    Bands {
        alg: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
    /// Compare string calculus with the matrix oracle on random strings.
    Check {
        alg: PathBuf,
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Draw a string, a simple's phantom, or a stored artifact.
    Render {
        alg: PathBuf,
        #[arg(long, conflicts_with_all = ["simple", "input"])]
        string: Option<String>,
        #[arg(long, conflicts_with = "input")]
        simple: Option<String>,
        /// A `.word` file or a stored artifact.
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

enum Failure {
    Domain(String),
    Inconclusive(String),
}

type Out = Result<String, Failure>;

fn domain(tag: &str, e: impl std::fmt::Display) -> Failure {
    Failure::Domain(format!("{tag}: {e}"))
}

fn phantom_err(e: PhantomError) -> Failure {
    match e {
        PhantomError::Inconclusive(_) | PhantomError::StepLimit(_) => Failure::Inconclusive(format!("phantom: {e}")),
        e => domain("phantom", e),
    }
}

fn serial_err(e: SerialError) -> Failure {
    match e {
        SerialError::Inconclusive(_) => Failure::Inconclusive(format!("serial: {e}")),
        e => domain("serial", e),
    }
}

#[derive(Serialize, Deserialize)]
struct Classification {
    name: String,
    vertices: usize,
    arrows: usize,
    dim: usize,
    class: AlgebraClass,
}

#[derive(Serialize, Deserialize)]
struct Basis {
    projectives: Vec<(String, Vec<String>)>,
}

#[derive(Serialize, Deserialize)]
struct Syzygy {
    word: StringWord,
    components: Vec<StringWord>,
}

#[derive(Serialize, Deserialize)]
struct Cfinite {
    contravariantly_finite: bool,
    infinite: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct SerialFindim {
    lfindim: usize,
    approximations: Vec<SaguaroReport>,
}

#[derive(Serialize, Deserialize)]
struct Witness {
    vertex: usize,
    bound: usize,
    letters: usize,
    witness: Option<CriterionWitness>,
}

#[derive(Serialize, Deserialize)]
struct Check {
    samples: usize,
    seed: u64,
    comparisons: Vec<OracleComparison>,
}

impl Artifact for Classification {
    const KIND: &'static str = "classification_report";
}
impl Artifact for Basis {
    const KIND: &'static str = "basis";
}
impl Artifact for Syzygy {
    const KIND: &'static str = "syzygy";
}
impl Artifact for Cfinite {
    const KIND: &'static str = "cfinite";
}
impl Artifact for SerialFindim {
    const KIND: &'static str = "serial_findim";
}
impl Artifact for Witness {
    const KIND: &'static str = "witness_search";
}
impl Artifact for Check {
    const KIND: &'static str = "oracle_check";
}

struct Ctx {
    pres: QuiverPresentation,
    format: Format,
    seed: u64,
    bound: Option<usize>,
    letters: Option<usize>,
    render: RenderOptions,
}

impl Ctx {
    fn graph_format(&self) -> GraphFormat {
        if self.format == Format::Dot {
            GraphFormat::Dot
        } else {
            GraphFormat::Ascii
        }
    }

    fn opts(&self) -> RenderOptions {
        RenderOptions { format: self.graph_format(), ..self.render }
    }

    fn vertex(&self, name: &str) -> Result<usize, Failure> {
        self.pres
            .quiver
            .vertex_id(name)
            .ok_or_else(|| domain("presentation", format!("unknown vertex `{name}`")))
    }

    fn word(&self, text: &str) -> Result<StringWord, Failure> {
        parse_letters(&self.pres, text).map_err(|e| domain("strings", e))
    }

    fn class_text(&self) -> &'static str {
        let c = self.pres.classify();
        match (c.is_special_biserial, c.is_monomial) {
            (true, _) => "special biserial",
            (false, true) => "monomial, not special biserial",
            (false, false) => "neither monomial nor special biserial",
        }
    }

    fn require_string(&self) -> Result<(), Failure> {
        if self.pres.classify().has_string_combinatorics {
            Ok(())
        } else {
            Err(domain("presentation", format!("not a string algebra ({})", self.class_text())))
        }
    }

    fn engine(&self) -> Result<PhantomEngine<'_>, Failure> {
        self.require_string()?;
        let bound = self.bound.unwrap_or_else(|| default_bound(&self.pres));
        PhantomEngine::new(&self.pres, bound).map_err(phantom_err)
    }

    fn name(&self, v: usize) -> &str {
        self.pres.vertex_name(v)
    }

    fn path_text(&self, p: &Option<phantom_core::presentation::Path>) -> String {
        p.as_ref().map_or("-".into(), |p| self.pres.path_vertices(p))
    }
}

fn run(cli: Cli) -> Out {
    let alg = match &cli.cmd {
        Cmd::Classify { alg }
        | Cmd::Basis { alg }
        | Cmd::Pdim { alg, .. }
        | Cmd::Syzygy { alg, .. }
        | Cmd::Phantom { alg, .. }
        | Cmd::Cfinite { alg }
        | Cmd::Findim { alg }
        | Cmd::Approx { alg, .. }
        | Cmd::Witness { alg, .. }
        | Cmd::Bands { alg, .. }
        | Cmd::Check { alg, .. }
        | Cmd::Render { alg, .. } => alg.clone(),
    };
    let text = std::fs::read_to_string(&alg).map_err(|e| domain("io", format!("{}: {e}", alg.display())))?;
    let pres = parse_presentation(&text).map_err(|e| domain("presentation", e))?;
    let ctx = Ctx {
        pres,
        format: cli.format,
        seed: cli.seed,
        bound: cli.bound,
        letters: cli.letters,
        render: RenderOptions { format: GraphFormat::Ascii, show_labels: !cli.no_labels, window: cli.window },
    };
    match cli.cmd {
        Cmd::Classify { .. } => classify(&ctx),
        Cmd::Basis { .. } => basis(&ctx),
        Cmd::Pdim { string, path, .. } => pdim(&ctx, string, path),
        Cmd::Syzygy { string, .. } => syzygy(&ctx, &string),
        Cmd::Phantom { simple, .. } => phantom(&ctx, &simple),
        Cmd::Cfinite { .. } => cfinite(&ctx),
        Cmd::Findim { .. } => findim(&ctx),
        Cmd::Approx { simple, pd, .. } => approx(&ctx, &simple, pd),
        Cmd::Witness { simple, .. } => witness(&ctx, &simple),
        Cmd::Bands { max_len, degree, .. } => bands(&ctx, max_len, degree),
        Cmd::Check { oracle, samples, .. } => check(&ctx, oracle, samples),
        Cmd::Render { string, simple, input, .. } => render(&ctx, string, simple, input),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn classify(ctx: &Ctx) -> Out {
    let p = &ctx.pres;
    let c = p.classify();
    match ctx.format {
        Format::Data => Ok(encode(&Classification {
            name: p.name.clone(),
            vertices: p.vertex_count(),
            arrows: p.arrow_count(),
            dim: p.dim(),
            class: c,
        })),
        Format::Dot => Ok(render_quiver(p, GraphFormat::Dot)),
        Format::Text => {
            let mut s = format!(
                "algebra {}: {} vertices, {} arrows, dimension {}\n",
                p.name,
                p.vertex_count(),
                p.arrow_count(),
                p.dim()
            );
            let _ = writeln!(s, "monomial: {}", yes(c.is_monomial));
            let _ = writeln!(s, "special biserial: {}", yes(c.is_special_biserial));
            if c.is_string {
                s.push_str("string algebra: yes\n");
            } else if c.has_string_combinatorics {
                s.push_str("string algebra: no (string combinatorics apply)\n");
            } else {
                let _ = writeln!(s, "string algebra: no ({})", ctx.class_text());
            }
            let _ = writeln!(s, "left serial: {}", yes(c.is_left_serial));
            Ok(s)
        }
    }
}

fn basis(ctx: &Ctx) -> Out {
    let p = &ctx.pres;
    let projectives: Vec<(String, Vec<String>)> = (0..p.vertex_count())
        .map(|v| (ctx.name(v).to_string(), p.basis_from(v).iter().map(|q| p.path_text(q)).collect()))
        .collect();
    match ctx.format {
        Format::Data => Ok(encode(&Basis { projectives })),
        Format::Dot => Ok(render_quiver(p, GraphFormat::Dot)),
        Format::Text => {
            let mut s = String::new();
            for (v, paths) in &projectives {
                let _ = writeln!(s, "P({v}) dim {}: {}", paths.len(), paths.join(", "));
            }
            let _ = writeln!(s, "total dimension {}", p.dim());
            Ok(s)
        }
    }
}

fn pdim_text<S>(r: &PdimResult<S>, show: impl Fn(&S) -> String) -> String {
    match r {
        PdimResult::Finite(n) => format!("pdim {n}\n"),
        PdimResult::Infinite { cycle } => {
            let parts: Vec<String> = cycle.iter().map(show).collect();
            format!("pdim infinite; syzygy cycle: {}\n", parts.join(" => "))
        }
    }
}

fn pdim(ctx: &Ctx, string: Option<String>, path: Option<String>) -> Out {
    let p = &ctx.pres;
    ctx.require_string()?;
    if let Some(text) = path {
        let q = p.parse_path(&text).map_err(|e| domain("presentation", e))?;
        let r = path_pdim(p, &q).map_err(|e| domain("homology", e))?;
        return Ok(match ctx.format {
            Format::Data => encode(&r),
            Format::Dot => render_graph(&LayeredGraph::of_word(p, &StringWord::from_path(&q)), &ctx.opts()),
            Format::Text => pdim_text(&r, |x| p.path_vertices(x)),
        });
    }
    let w = ctx.word(string.as_deref().unwrap_or_default())?;
    let mut eng = ctx.engine()?;
    let r = eng.string_pdim(&w).map_err(phantom_err)?;
    Ok(match ctx.format {
        Format::Data => encode(&r),
        Format::Dot => render_graph(&LayeredGraph::of_word(p, &w), &ctx.opts()),
        Format::Text => pdim_text(&r, |x| x.walk_text(p, None)),
    })
}

fn syzygy(ctx: &Ctx, text: &str) -> Out {
    let p = &ctx.pres;
    ctx.require_string()?;
    let w = ctx.word(text)?;
    let components = string_syzygy(p, &w).map_err(|e| domain("homology", e))?;
    Ok(match ctx.format {
        Format::Data => encode(&Syzygy { word: w, components }),
        Format::Dot => {
            let items: Vec<(String, LayeredGraph)> =
                components.iter().map(|c| (c.text(p), LayeredGraph::of_word(p, c))).collect();
            render_dot_many(&items, ctx.render.show_labels)
        }
        Format::Text => {
            let mut s = format!("syzygy of {}:\n", w.walk_text(p, None));
            if components.is_empty() {
                s.push_str("  0 (projective)\n");
            }
            for c in &components {
                let _ = writeln!(s, "  {}    [{}]", c.walk_text(p, None), c.text(p));
            }
            s
        }
    })
}

fn phantom_text(ctx: &Ctx, r: &PhantomResult) -> String {
    let mut s = format!(
        "characteristic phantom of S{}: {} ({} steps)\n",
        ctx.name(r.vertex),
        if r.finite { "finite" } else { "infinite" },
        r.step_count
    );
    for st in &r.steps {
        let kind = match st.kind {
            phantom_core::phantom::StepKind::Minimal => "min",
            phantom_core::phantom::StepKind::Maximal => "max",
        };
        let _ = write!(s, "  step {:>2} {kind}  left {:<12} right {}", st.index, ctx.path_text(&st.left), ctx.path_text(&st.right));
        if let Some(n) = &st.note {
            let _ = write!(s, "  ({n})");
        }
        s.push('\n');
    }
    let side = |o: &phantom_core::phantom::SideOutcome| match o {
        phantom_core::phantom::SideOutcome::Terminated { step } => format!("terminates at step {step}"),
        phantom_core::phantom::SideOutcome::Periodic { first, repeat } => {
            format!("periodic, step {repeat} repeats step {first}")
        }
    };
    let _ = writeln!(s, "left side: {}\nright side: {}", side(&r.left), side(&r.right));
    s.push_str(&render_generalized(&ctx.pres, &r.phantom, &ctx.opts()));
    if r.finite {
        let _ = writeln!(s, "minimal approximation of S{}: {}", ctx.name(r.vertex), r.phantom.core.walk_text(&ctx.pres, Some(r.phantom.anchor)));
    } else {
        let _ = writeln!(s, "S{} has no minimal approximation", ctx.name(r.vertex));
    }
    s
}

fn phantom(ctx: &Ctx, simple: &str) -> Out {
    let v = ctx.vertex(simple)?;
    let mut eng = ctx.engine()?;
    let r = eng.characteristic_phantom(v).map_err(phantom_err)?;
    Ok(match ctx.format {
        Format::Data => encode(&r),
        Format::Dot => render_generalized(&ctx.pres, &r.phantom, &ctx.opts()),
        Format::Text => phantom_text(ctx, &r),
    })
}

fn phantom_items(ctx: &Ctx, rs: &[PhantomResult]) -> Vec<(String, LayeredGraph)> {
    rs.iter()
        .map(|r| (format!("S{}", ctx.name(r.vertex)), generalized_graph(&ctx.pres, &r.phantom, ctx.render.window)))
        .collect()
}

fn cfinite(ctx: &Ctx) -> Out {
    let mut eng = ctx.engine()?;
    let mut all = Vec::new();
    for v in 0..ctx.pres.vertex_count() {
        all.push(eng.characteristic_phantom(v).map_err(phantom_err)?);
    }
    let infinite: Vec<usize> = all.iter().filter(|r| !r.finite).map(|r| r.vertex).collect();
    Ok(match ctx.format {
        Format::Data => encode(&Cfinite { contravariantly_finite: infinite.is_empty(), infinite }),
        Format::Dot => render_dot_many(&phantom_items(ctx, &all), ctx.render.show_labels),
        Format::Text if infinite.is_empty() => "contravariantly finite; every characteristic phantom is finite\n".into(),
        Format::Text => {
            let names: Vec<String> = infinite.iter().map(|&v| format!("S{}", ctx.name(v))).collect();
            format!("NOT contravariantly finite; infinite phantoms: {}\n", names.join(", "))
        }
    })
}

fn findim(ctx: &Ctx) -> Out {
    let c = ctx.pres.classify();
    if !c.has_string_combinatorics && c.is_left_serial {
        let (lfindim, approximations) = serial_findim(&ctx.pres).map_err(serial_err)?;
        return Ok(match ctx.format {
            Format::Data => encode(&SerialFindim { lfindim, approximations }),
            Format::Dot => {
                let items: Vec<(String, LayeredGraph)> = approximations
                    .iter()
                    .map(|r| (format!("S{}", ctx.name(r.vertex)), r.saguaro.graph(&ctx.pres)))
                    .collect();
                render_dot_many(&items, ctx.render.show_labels)
            }
            Format::Text => {
                let mut s = format!("left finitistic dimension {lfindim}\n");
                for r in &approximations {
                    let _ = writeln!(s, "  S{}: approximation of dimension {}, pdim {}", ctx.name(r.vertex), r.saguaro.dim(), r.pdim);
                }
                s
            }
        });
    }
    let mut eng = ctx.engine()?;
    let report = eng.findim_report(ctx.letters.unwrap_or(DEFAULT_CORPUS_LETTERS)).map_err(phantom_err)?;
    Ok(match ctx.format {
        Format::Data => encode(&report),
        Format::Dot => {
            let rs: Vec<PhantomResult> = report.simples.iter().map(|s| s.phantom.clone()).collect();
            render_dot_many(&phantom_items(ctx, &rs), ctx.render.show_labels)
        }
        Format::Text => {
            let mut s = match report.lfindim {
                FindimValue::Exact(n) => format!("left finitistic dimension {n}\n"),
                FindimValue::LowerBound { value, letters } => format!(
                    "left finitistic dimension at least {value} (strings up to {letters} letters; finite modules of finite pdim are not contravariantly finite)\n"
                ),
            };
            for r in &report.simples {
                let pd = r.pdim.map_or("-".to_string(), |n| n.to_string());
                let kind = if r.phantom.finite { "finite" } else { "infinite" };
                let _ = writeln!(s, "  S{}: {kind} phantom, pdim {pd}", ctx.name(r.vertex));
            }
            s
        }
    })
}

fn parse_depth(text: &str) -> Result<Depth, Failure> {
    match text {
        "inf" | "infinity" => Ok(Depth(None)),
        t => t.parse().map(|d| Depth(Some(d))).map_err(|_| domain("serial", format!("bad depth `{t}`"))),
    }
}

fn saguaro_out(ctx: &Ctx, r: &SaguaroReport) -> String {
    let p = &ctx.pres;
    match ctx.format {
        Format::Data => encode(r),
        Format::Dot => render_graph(&r.saguaro.graph(p), &ctx.opts()),
        Format::Text => {
            let mut s = format!(
                "approximation of S{} by modules of pdim at most {}: dimension {}, pdim {}\n",
                ctx.name(r.vertex),
                r.depth,
                r.saguaro.dim(),
                r.pdim
            );
            for t in r.saguaro.trunks() {
                let _ = writeln!(s, "  trunk {}", p.path_vertices(&t));
            }
            if !r.order_independent {
                s.push_str("  note: attachment order changes the result\n");
            }
            s.push_str(&render_graph(&r.saguaro.graph(p), &ctx.opts()));
            s
        }
    }
}

fn approx(ctx: &Ctx, simple: &str, pd: Option<String>) -> Out {
    let v = ctx.vertex(simple)?;
    let c = ctx.pres.classify();
    if pd.is_some() || (!c.has_string_combinatorics && c.is_left_serial) {
        let depth = parse_depth(pd.as_deref().unwrap_or("inf"))?;
        let r = saguaro_approximation(&ctx.pres, v, depth).map_err(serial_err)?;
        return Ok(saguaro_out(ctx, &r));
    }
    let mut eng = ctx.engine()?;
    let a = eng.minimal_approximation(v).map_err(phantom_err)?;
    Ok(match (ctx.format, &a) {
        (Format::Data, _) => encode(&a),
        (_, Approximation::Finite { word, anchor }) => {
            let g = GeneralizedString::finite(word.clone(), *anchor);
            let mut s = String::new();
            if ctx.format == Format::Text {
                let _ = writeln!(s, "minimal approximation of S{}: {}", ctx.name(v), word.walk_text(&ctx.pres, Some(*anchor)));
            }
            s.push_str(&render_generalized(&ctx.pres, &g, &ctx.opts()));
            s
        }
        (Format::Dot, Approximation::Infinite(r)) => render_generalized(&ctx.pres, &r.phantom, &ctx.opts()),
        (_, Approximation::Infinite(r)) => format!(
            "S{} has no minimal approximation; its characteristic phantom is infinite\n{}",
            ctx.name(v),
            render_generalized(&ctx.pres, &r.phantom, &ctx.opts())
        ),
    })
}

fn witness(ctx: &Ctx, simple: &str) -> Out {
    let v = ctx.vertex(simple)?;
    let mut eng = ctx.engine()?;
    let bound = ctx.bound.unwrap_or(DEFAULT_WITNESS_BOUND);
    let letters = ctx.letters.unwrap_or(DEFAULT_WITNESS_LETTERS);
    let found = failure_witness_search(&mut eng, v, bound, letters).map_err(phantom_err)?;
    let p = &ctx.pres;
    Ok(match ctx.format {
        Format::Data => encode(&Witness { vertex: v, bound, letters, witness: found }),
        Format::Dot => match &found {
            Some(w) => render_graph(&LayeredGraph::of_word(p, &w.zigzag(p, 2)), &ctx.opts()),
            None => render_graph(&LayeredGraph::of_word(p, &StringWord::trivial(v)), &ctx.opts()),
        },
        Format::Text => match &found {
            None => format!("no witness for S{} within bound {bound} and {letters} letters\n", ctx.name(v)),
            Some(w) => {
                let names: Vec<&str> = w.vertices.iter().map(|&x| ctx.name(x)).collect();
                let mut s = format!("witness for S{}: vertices {}\n", ctx.name(v), names.join(", "));
                for (i, (a, b)) in w.p.iter().zip(&w.q).enumerate() {
                    let _ = writeln!(s, "  p{i} = {}  q{i} = {}", p.path_vertices(a), p.path_vertices(b));
                }
                let _ = writeln!(s, "  zig-zag n=2: {}", w.zigzag(p, 2).walk_text(p, None));
                s
            }
        },
    })
}

fn bands(ctx: &Ctx, max_len: usize, degree: usize) -> Out {
    ctx.require_string()?;
    let r = band_finite_pdim_search(&ctx.pres, max_len, degree).map_err(|e| domain("homology", e))?;
    let p = &ctx.pres;
    Ok(match ctx.format {
        Format::Data => encode(&r),
        Format::Dot => {
            let items: Vec<(String, LayeredGraph)> =
                r.finite.iter().map(|b| (b.word.text(p), LayeredGraph::of_word(p, &b.word))).collect();
            render_dot_many(&items, ctx.render.show_labels)
        }
        Format::Text => {
            let mut s = format!(
                "{} band words up to length {max_len}, {} polynomials up to degree {degree}: {} of finite pdim\n",
                r.words_checked,
                r.polynomials,
                r.finite.len()
            );
            let mut words: Vec<&StringWord> = r.finite.iter().map(|b| &b.word).collect();
            words.dedup();
            for w in words {
                let n = r.finite.iter().filter(|b| &b.word == w).count();
                let _ = writeln!(s, "  {}  ({n} polynomials)", w.text(p));
            }
            s
        }
    })
}

fn check(ctx: &Ctx, oracle: bool, samples: usize) -> Out {
    if !oracle {
        return Err(domain("cli", "nothing to check; pass --oracle"));
    }
    let mut eng = ctx.engine()?;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let words = random_words(&mut rng, &ctx.pres, ctx.letters.unwrap_or(6), samples);
    let comparisons = oracle_comparison(&mut eng, &words, ctx.seed).map_err(phantom_err)?;
    let failed: Vec<&OracleComparison> = comparisons.iter().filter(|c| !c.passed()).collect();
    let p = &ctx.pres;
    let out = match ctx.format {
        Format::Data => encode(&Check { samples, seed: ctx.seed, comparisons: comparisons.clone() }),
        Format::Dot => render_quiver(p, GraphFormat::Dot),
        Format::Text => {
            let finite = comparisons.iter().filter(|c| c.pdim.is_some()).count();
            let mut s = format!(
                "{} strings checked against the oracle ({} of finite pdim): {} disagreements\n",
                comparisons.len(),
                finite,
                failed.len()
            );
            for c in &failed {
                let _ = writeln!(s, "  {}: syzygy {} pdim {:?}", c.word.text(p), yes(c.syzygy_agrees), c.pdim_agrees);
            }
            s
        }
    };
    if failed.is_empty() {
        Ok(out)
    } else {
        print!("{out}");
        Err(domain("oracle", format!("{} disagreements", failed.len())))
    }
}

fn render(ctx: &Ctx, string: Option<String>, simple: Option<String>, input: Option<PathBuf>) -> Out {
    let p = &ctx.pres;
    let graph_out = |g: &LayeredGraph| match ctx.format {
        Format::Data => encode(g),
        _ => render_graph(g, &ctx.opts()),
    };
    let gen_out = |g: &GeneralizedString| match ctx.format {
        Format::Data => encode(g),
        _ => render_generalized(p, g, &ctx.opts()),
    };
    if let Some(s) = string {
        return Ok(graph_out(&LayeredGraph::of_word(p, &ctx.word(&s)?)));
    }
    if let Some(v) = simple {
        let v = ctx.vertex(&v)?;
        let r = ctx.engine()?.characteristic_phantom(v).map_err(phantom_err)?;
        return Ok(gen_out(&r.phantom));
    }
    let Some(path) = input else {
        return Err(domain("cli", "render needs --string, --simple or --input"));
    };
    let text = std::fs::read_to_string(&path).map_err(|e| domain("io", format!("{}: {e}", path.display())))?;
    if !text.trim_start().starts_with('{') {
        return Ok(graph_out(&LayeredGraph::of_word(p, &ctx.word(&text)?)));
    }
    let io = |e| domain("io", e);
    match peek_kind(&text).map_err(io)?.as_str() {
        "string" => Ok(graph_out(&LayeredGraph::of_word(p, &decode::<StringWord>(&text).map_err(io)?))),
        "generalized_string" => Ok(gen_out(&decode::<GeneralizedString>(&text).map_err(io)?)),
        "phantom" => Ok(gen_out(&decode::<PhantomResult>(&text).map_err(io)?.phantom)),
        "graph" => Ok(graph_out(&decode::<LayeredGraph>(&text).map_err(io)?)),
        "saguaro" => Ok(graph_out(&decode::<phantom_core::serial::Saguaro>(&text).map_err(io)?.graph(p))),
        "saguaro_report" => Ok(graph_out(&decode::<SaguaroReport>(&text).map_err(io)?.saguaro.graph(p))),
        k => Err(domain("io", format!("cannot draw an artifact of kind `{k}`"))),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Inconclusive(m)) => {
            eprintln!("inconclusive: {m}; raise --bound or PHANTOM_BOUND");
            ExitCode::from(2)
        }
    }
}
